/*
  Copyright (c) 2026 the twistrank project

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include "twistrank/intset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "twistrank/errors.hpp"

namespace twistrank {

FiniteIntegerSet::FiniteIntegerSet(std::vector<uint64_t> elements,
                                   uint64_t universe)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
  if (!elements_.empty() && elements_.front() == 0) {
    throw InvalidArgument("FiniteIntegerSet: elements must be positive");
  }
  if (universe == 0) {
    universe_ = elements_.empty() ? 1 : elements_.back();
  } else {
    universe_ = universe;
    if (!elements_.empty() && elements_.back() > universe_) {
      throw InvalidArgument(
          "FiniteIntegerSet: element exceeds the universe bound");
    }
  }
}

FiniteIntegerSet FiniteIntegerSet::interval(uint64_t lo, uint64_t hi) {
  if (lo == 0 || lo > hi) {
    throw InvalidArgument("FiniteIntegerSet::interval: need 1 <= lo <= hi");
  }
  std::vector<uint64_t> elems;
  elems.reserve(hi - lo + 1);
  for (uint64_t n = lo; n <= hi; ++n) elems.push_back(n);
  return FiniteIntegerSet(std::move(elems), hi);
}

bool FiniteIntegerSet::contains(uint64_t n) const {
  return std::binary_search(elements_.begin(), elements_.end(), n);
}

size_t FiniteIntegerSet::count_up_to(uint64_t n) const {
  return static_cast<size_t>(
      std::upper_bound(elements_.begin(), elements_.end(), n) -
      elements_.begin());
}

FiniteIntegerSet FiniteIntegerSet::with_universe(uint64_t universe) const {
  return FiniteIntegerSet(elements_, universe);
}

FiniteIntegerSet set_intersection(const FiniteIntegerSet& a,
                                  const FiniteIntegerSet& b) {
  std::vector<uint64_t> out;
  std::set_intersection(a.elements().begin(), a.elements().end(),
                        b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return FiniteIntegerSet(std::move(out),
                          std::min(a.universe(), b.universe()));
}

FiniteIntegerSet set_union(const FiniteIntegerSet& a,
                           const FiniteIntegerSet& b) {
  std::vector<uint64_t> out;
  std::set_union(a.elements().begin(), a.elements().end(),
                 b.elements().begin(), b.elements().end(),
                 std::back_inserter(out));
  return FiniteIntegerSet(std::move(out),
                          std::max(a.universe(), b.universe()));
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw IoError("write failed: '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw IoError("rename failed: '" + tmp + "' -> '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::string strip(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

FiniteIntegerSet FiniteIntegerSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open set file '" + path + "'");

  std::vector<uint64_t> elems;
  uint64_t universe = 0;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.rfind("N=", 0) == 0) {
      try {
        universe = std::stoull(s.substr(2));
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": bad universe header '" + s + "'");
      }
      if (universe == 0) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": universe bound must be positive");
      }
      continue;
    }
    try {
      size_t pos = 0;
      uint64_t v = std::stoull(s, &pos);
      if (pos != s.size() || v == 0) throw std::invalid_argument(s);
      elems.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": bad set element '" + s + "'");
    }
  }
  try {
    return FiniteIntegerSet(std::move(elems), universe);
  } catch (const InvalidArgument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void FiniteIntegerSet::save(const std::string& path,
                            const std::string& config_comment) const {
  std::ostringstream out;
  if (!config_comment.empty()) out << "# config: " << config_comment << "\n";
  out << "N=" << universe_ << "\n";
  for (uint64_t n : elements_) out << n << "\n";
  write_file_atomic(path, out.str());
}

}  // namespace twistrank
