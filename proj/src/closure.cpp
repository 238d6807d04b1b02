// Copyright 2026 The twofactor Authors.
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

#include <algorithm>
#include <bit>

#include "twofactor/errors.hpp"
#include "twofactor/ihmoves.hpp"

namespace twofactor {

namespace {

// Strand numbering for the triangle x0 x1 x2 with matching edges x_i - y_i.
// Triangle edge i joins x_i and x_{i+1}: strand 2i at x_i, 2i+1 at x_{i+1}.
// Outer endpoint j (0..5) is strand 6 + j; site i owns endpoints 2i (the
// clockwise one) and 2i+1.
constexpr std::uint32_t triangle_near(int i) { return static_cast<std::uint32_t>(2 * i); }
constexpr std::uint32_t triangle_far(int i) { return static_cast<std::uint32_t>(2 * i + 1); }
constexpr std::uint32_t outer(int j) { return static_cast<std::uint32_t>(6 + j); }

void all_pairings(std::vector<int> rest, std::vector<std::pair<int, int>>& current,
                  std::vector<std::array<std::pair<int, int>, 3>>& out) {
  if (rest.empty()) {
    out.push_back({current[0], current[1], current[2]});
    return;
  }
  const int first = rest.front();
  for (std::size_t k = 1; k < rest.size(); ++k) {
    std::vector<int> remaining;
    for (std::size_t r = 1; r < rest.size(); ++r)
      if (r != k) remaining.push_back(rest[r]);
    current.emplace_back(first, rest[k]);
    all_pairings(remaining, current, out);
    current.pop_back();
  }
}

}  // namespace

StrandModel closure_model(const std::array<std::pair<int, int>, 3>& pairing) {
  StrandModel model;
  model.edge_partner.assign(12, 0);
  auto link = [&](std::uint32_t x, std::uint32_t y) {
    model.edge_partner[x] = y;
    model.edge_partner[y] = x;
  };
  for (int i = 0; i < 3; ++i) link(triangle_near(i), triangle_far(i));
  std::array<bool, 6> used{};
  for (const auto& [p, q] : pairing) {
    if (p < 0 || p > 5 || q < 0 || q > 5 || p == q || used[p] || used[q])
      throw InvalidInput("closure pairing must be a perfect pairing of endpoints 0..5");
    used[p] = used[q] = true;
    link(outer(p), outer(q));
  }
  // Rotation at x_i is (m_i, toward x_{i+1}, toward x_{i-1}); at y_i it is
  // (m_i, clockwise endpoint, counterclockwise endpoint).
  for (int i = 0; i < 3; ++i) {
    const int prev = (i + 2) % 3;
    model.sites.push_back(
        {EdgeId{static_cast<std::uint32_t>(i)},
         {triangle_near(i), triangle_far(prev), outer(2 * i), outer(2 * i + 1)}});
  }
  return model;
}

bool ClosureReport::passed() const {
  return cases.size() == 15 && std::all_of(cases.begin(), cases.end(), [](const ClosureCase& c) {
           return c.alternating_sum == 0;
         });
}

ClosureReport triangle_closure_identity() {
  std::vector<std::array<std::pair<int, int>, 3>> pairings;
  std::vector<std::pair<int, int>> current;
  all_pairings({0, 1, 2, 3, 4, 5}, current, pairings);

  ClosureReport report;
  for (const auto& pairing : pairings) {
    const StrandModel model = closure_model(pairing);
    ClosureCase c;
    c.pairing = pairing;
    for (std::uint64_t s = 0; s < 8; ++s) {
      const unsigned crosses = static_cast<unsigned>(std::popcount(s));
      const unsigned circles = model.circle_count(s);
      c.circles[crosses].push_back(circles);
      const long long term = 1LL << circles;
      c.alternating_sum += crosses % 2 ? -term : term;
    }
    report.cases.push_back(std::move(c));
  }
  return report;
}

}  // namespace twofactor
