// Copyright 2026 The MUIR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "muir/identifier.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <unordered_map>

#include "muir/errors.h"

namespace muir {
namespace {

constexpr std::array<std::string_view, kNumResourceTypes> kTypeNames = {
    "Videos",       "Slides",   "Transcripts",        "Assessments",
    "Exams",        "Readings", "AdditionalResources",
};

// Type-hint vocabulary. Keywords not listed here map to AdditionalResources.
const std::unordered_map<std::string, ResourceType> &HintLexicon() {
  static const auto *lexicon = new std::unordered_map<std::string, ResourceType>{
      {"lecture", ResourceType::kVideos},
      {"video", ResourceType::kVideos},
      {"slide", ResourceType::kSlides},
      {"slides", ResourceType::kSlides},
      {"transcript", ResourceType::kTranscripts},
      {"quiz", ResourceType::kExams},
      {"exam", ResourceType::kExams},
      {"test", ResourceType::kExams},
      {"question", ResourceType::kExams},
      {"assignment", ResourceType::kAssessments},
      {"homework", ResourceType::kAssessments},
      {"exercise", ResourceType::kAssessments},
      {"assessment", ResourceType::kAssessments},
      {"problem", ResourceType::kAssessments},
      {"reading", ResourceType::kReadings},
      {"article", ResourceType::kReadings},
  };
  return *lexicon;
}

std::string ToLowerAscii(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) {
    return static_cast<char>(std::tolower(ch));
  });
  return out;
}

bool IsHexDigit(char ch) {
  return std::isxdigit(static_cast<unsigned char>(ch)) != 0;
}

int HexValue(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  return ch - 'A' + 10;
}

// Splits on '/' without decoding; empty segments are preserved so callers
// can reject them.
std::vector<std::string_view> SplitSegments(std::string_view text) {
  std::vector<std::string_view> segments;
  std::size_t start = 0;
  while (true) {
    std::size_t slash = text.find('/', start);
    if (slash == std::string_view::npos) {
      segments.push_back(text.substr(start));
      break;
    }
    segments.push_back(text.substr(start, slash - start));
    start = slash + 1;
  }
  return segments;
}

}  // namespace

std::string_view ToString(ResourceType type) {
  return kTypeNames[static_cast<int>(type)];
}

ResourceType ResourceTypeFromString(std::string_view name) {
  for (int i = 0; i < kNumResourceTypes; ++i) {
    if (kTypeNames[i] == name) return static_cast<ResourceType>(i);
  }
  throw MalformedCanonical("unknown resource type: " + std::string(name));
}

bool IsOpaqueIdText(std::string_view value) {
  if (value.size() != 16) return false;
  return std::all_of(value.begin(), value.end(), [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9');
  });
}

std::string PercentEncodeSegment(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char ch : value) {
    switch (ch) {
      case ' ':
        out += "%20";
        break;
      case '&':
        out += "%26";
        break;
      case '/':
        out += "%2F";
        break;
      case '%':
        out += "%25";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

std::string PercentDecodeSegment(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] != '%') {
      out += value[i];
      continue;
    }
    if (i + 2 >= value.size() || !IsHexDigit(value[i + 1]) ||
        !IsHexDigit(value[i + 2])) {
      throw MalformedShortForm("invalid percent-encoding in segment: " +
                               std::string(value));
    }
    out += static_cast<char>(HexValue(value[i + 1]) * 16 + HexValue(value[i + 2]));
    i += 2;
  }
  return out;
}

ShortForm ParseShortForm(std::string_view text) {
  const auto raw = SplitSegments(text);
  if (text.empty() || raw.size() < 3) {
    throw MalformedShortForm("short form needs 3 to 5 segments: " +
                             std::string(text));
  }
  if (raw.size() > 5) {
    throw MalformedShortForm("short form needs 3 to 5 segments: " +
                             std::string(text));
  }
  std::vector<std::string> segments;
  segments.reserve(raw.size());
  for (auto seg : raw) {
    if (seg.empty()) {
      throw MalformedShortForm("empty segment in short form: " +
                               std::string(text));
    }
    segments.push_back(PercentDecodeSegment(seg));
  }

  ShortForm sf;
  sf.host = segments[0];
  sf.course = segments[1];
  switch (segments.size()) {
    case 3:
      sf.resource_type_hint = segments[2];
      break;
    case 4:
      // Either the forum or the block was dropped; a type-hint keyword in
      // third position means the forum is the absent one.
      if (IsHintKeyword(segments[2])) {
        sf.resource_type_hint = segments[2];
        sf.block = segments[3];
      } else {
        sf.forum = segments[2];
        sf.resource_type_hint = segments[3];
      }
      break;
    default:
      sf.forum = segments[2];
      sf.resource_type_hint = segments[3];
      sf.block = segments[4];
      break;
  }
  return sf;
}

std::string SerializeShortForm(const ShortForm &sf) {
  std::string out = PercentEncodeSegment(sf.host);
  out += '/';
  out += PercentEncodeSegment(sf.course);
  if (sf.forum) {
    out += '/';
    out += PercentEncodeSegment(*sf.forum);
  }
  out += '/';
  out += PercentEncodeSegment(sf.resource_type_hint);
  if (sf.block) {
    out += '/';
    out += PercentEncodeSegment(*sf.block);
  }
  return out;
}

CanonicalForm ParseCanonical(std::string_view text) {
  const auto raw = SplitSegments(text);
  if (raw.size() != 7) {
    throw MalformedCanonical("canonical form needs exactly 7 segments: " +
                             std::string(text));
  }
  std::vector<std::string> segments;
  segments.reserve(7);
  for (auto seg : raw) {
    if (seg.empty()) {
      throw MalformedCanonical("empty segment in canonical form: " +
                               std::string(text));
    }
    std::string decoded;
    try {
      decoded = PercentDecodeSegment(seg);
    } catch (const MalformedShortForm &e) {
      throw MalformedCanonical(e.what());
    }
    segments.push_back(std::move(decoded));
  }

  CanonicalForm c;
  c.host = segments[0];
  c.platform = segments[1];
  c.course = segments[2];
  const std::string &session = segments[3];
  auto [ptr, ec] = std::from_chars(session.data(),
                                   session.data() + session.size(), c.session);
  if (ec != std::errc() || ptr != session.data() + session.size() ||
      c.session < 0) {
    throw MalformedCanonical("session is not a non-negative integer: " +
                             session);
  }
  // Instructor names were joined by '&' before encoding.
  std::size_t start = 0;
  const std::string &joined = segments[4];
  while (true) {
    std::size_t amp = joined.find('&', start);
    std::string name = joined.substr(start, amp == std::string::npos
                                                ? std::string::npos
                                                : amp - start);
    if (name.empty()) {
      throw MalformedCanonical("empty instructor name in: " + joined);
    }
    c.instructors.push_back(std::move(name));
    if (amp == std::string::npos) break;
    start = amp + 1;
  }
  c.resource_type = ResourceTypeFromString(segments[5]);
  c.slug = segments[6];
  return c;
}

std::string SerializeCanonical(const CanonicalForm &c) {
  std::string instructors;
  for (std::size_t i = 0; i < c.instructors.size(); ++i) {
    if (i > 0) instructors += '&';
    instructors += c.instructors[i];
  }
  std::string out = PercentEncodeSegment(c.host);
  out += '/';
  out += PercentEncodeSegment(c.platform);
  out += '/';
  out += PercentEncodeSegment(c.course);
  out += '/';
  out += std::to_string(c.session);
  out += '/';
  out += PercentEncodeSegment(instructors);
  out += '/';
  out += std::string(ToString(c.resource_type));
  out += '/';
  out += PercentEncodeSegment(c.slug);
  return out;
}

std::vector<std::string> NormalizeTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto uch = static_cast<unsigned char>(ch);
    if (std::isalnum(uch) != 0 && uch < 0x80) {
      current += static_cast<char>(std::tolower(uch));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

OpaqueId MintOpaque(const CanonicalForm &c) {
  const std::string serialized = SerializeCanonical(c);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  EVP_Digest(serialized.data(), serialized.size(), digest, &digest_len,
             EVP_sha256(), nullptr);

  // First 16 digest bytes as a big-endian 128-bit integer.
  unsigned __int128 value = 0;
  for (int i = 0; i < 16; ++i) {
    value = (value << 8) | digest[i];
  }

  // 2^128 < 36^25, so 25 base-36 digits always suffice.
  static constexpr char kAlphabet[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  char rendered[25];
  for (int i = 24; i >= 0; --i) {
    rendered[i] = kAlphabet[static_cast<int>(value % 36)];
    value /= 36;
  }
  return OpaqueId{std::string(rendered, 16)};
}

ResourceType HintToType(std::string_view hint) {
  const auto &lexicon = HintLexicon();
  auto it = lexicon.find(ToLowerAscii(hint));
  return it == lexicon.end() ? ResourceType::kAdditionalResources : it->second;
}

const std::vector<std::string> &HintKeywords() {
  static const auto *keywords = [] {
    auto *words = new std::vector<std::string>;
    for (const auto &[keyword, type] : HintLexicon()) {
      (void)type;
      words->push_back(keyword);
    }
    words->push_back("week");
    words->push_back("module");
    words->push_back("lesson");
    std::sort(words->begin(), words->end());
    return words;
  }();
  return *keywords;
}

bool IsHintKeyword(std::string_view token) {
  const auto &keywords = HintKeywords();
  return std::binary_search(keywords.begin(), keywords.end(),
                            ToLowerAscii(token));
}

bool IsTypeKeyword(std::string_view token) {
  return HintLexicon().count(ToLowerAscii(token)) > 0;
}

}  // namespace muir
