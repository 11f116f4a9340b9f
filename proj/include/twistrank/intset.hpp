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

#ifndef TWISTRANK_INTSET_HPP
#define TWISTRANK_INTSET_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace twistrank {

// A sorted finite subset of positive integers together with an explicit
// universe bound N (all elements <= N). Immutable after construction.
class FiniteIntegerSet {
 public:
  FiniteIntegerSet() : universe_(1) {}

  // Elements are sorted and deduplicated; universe 0 means "max element"
  // (1 for the empty set). Throws InvalidArgument on element 0 or an
  // element above the stated universe.
  explicit FiniteIntegerSet(std::vector<uint64_t> elements,
                            uint64_t universe = 0);

  static FiniteIntegerSet interval(uint64_t lo, uint64_t hi);

  const std::vector<uint64_t>& elements() const { return elements_; }
  uint64_t universe() const { return universe_; }
  size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(uint64_t n) const;

  // Number of elements <= n.
  size_t count_up_to(uint64_t n) const;

  FiniteIntegerSet with_universe(uint64_t universe) const;

  // Set file: '#' comments, optional "N=<bound>" header, one positive
  // integer per line.
  static FiniteIntegerSet load(const std::string& path);
  void save(const std::string& path,
            const std::string& config_comment = "") const;

 private:
  std::vector<uint64_t> elements_;
  uint64_t universe_;
};

// Universe of the intersection is the smaller universe; of the union,
// the larger.
FiniteIntegerSet set_intersection(const FiniteIntegerSet& a,
                                  const FiniteIntegerSet& b);
FiniteIntegerSet set_union(const FiniteIntegerSet& a,
                           const FiniteIntegerSet& b);

// Atomic text file write (write to a temporary, then rename).
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace twistrank

#endif
