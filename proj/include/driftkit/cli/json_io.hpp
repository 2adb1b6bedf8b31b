// Copyright 2026, The driftkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace driftkit::cli {

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void emit_string(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\r': os << "\\r"; break;
      case '\t': os << "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

inline void emit(std::ostream& os, const nlohmann::ordered_json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::null:
      os << "null";
      break;
    case nlohmann::ordered_json::value_t::boolean:
      os << (j.get<bool>() ? "true" : "false");
      break;
    case nlohmann::ordered_json::value_t::number_integer:
      os << j.get<long long>();
      break;
    case nlohmann::ordered_json::value_t::number_unsigned:
      os << j.get<unsigned long long>();
      break;
    case nlohmann::ordered_json::value_t::number_float: {
      // 17 significant digits: lossless double round-trip.
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      os << buf;
      break;
    }
    case nlohmann::ordered_json::value_t::string:
      emit_string(os, j.get<std::string>());
      break;
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        break;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        os << pad_in;
        emit(os, j[i], indent + 1);
        if (i + 1 < j.size()) os << ',';
        os << '\n';
      }
      os << pad << ']';
      break;
    }
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      std::size_t i = 0;
      for (const auto& [key, value] : j.items()) {
        os << pad_in;
        emit_string(os, key);
        os << ": ";
        emit(os, value, indent + 1);
        if (++i < j.size()) os << ',';
        os << '\n';
      }
      os << pad << '}';
      break;
    }
    default:
      throw std::logic_error("emit: unsupported json type");
  }
}

}  // namespace detail

// Serializes with stable (insertion) key order and doubles at 17 significant
// digits so documents round-trip losslessly and identical runs produce
// byte-identical files.
inline std::string to_stable_json(const nlohmann::ordered_json& j) {
  std::ostringstream os;
  detail::emit(os, j, 0);
  os << '\n';
  return os.str();
}

// Atomic write: stage into a sibling temp file, then rename over the target.
inline void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << contents;
    if (!out) throw DataError("write failed: " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace driftkit::cli
