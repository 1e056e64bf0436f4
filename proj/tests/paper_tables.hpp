#pragma once

// Stable-code sets transcribed from the published tables. Entries use the
// family names understood by expand_entry(): "A_A", "A_a", "A-(n,m)", "A+(n,m)",
// or an explicit code such as "a+,A-,a+".

#include <string>
#include <vector>

#include <ilm/codes.hpp>

namespace tables {

struct Cell {
  int n;
  double delta;
  std::vector<std::string> stable;
  bool complete;  // false when the published cell ends in "+k more"
};

inline ilm::Code expand_entry(const std::string& e, int n) {
  using ilm::StackedCode;
  if (e == "A_A") return ilm::expand_stacked({n, 0, StackedCode::Variant::Plus});
  if (e == "A_a") return ilm::expand_stacked({0, n, StackedCode::Variant::Plus});
  if (e.size() > 2 && e[0] == 'A' && (e[1] == '-' || e[1] == '+') && e[2] == '(') {
    const auto comma = e.find(',');
    const int big = std::stoi(e.substr(3, comma - 3));
    const int small = std::stoi(e.substr(comma + 1));
    return ilm::expand_stacked(
        {big, small, e[1] == '-' ? StackedCode::Variant::Minus : StackedCode::Variant::Plus});
  }
  return ilm::parse_code(e);
}

inline const std::vector<double>& deltas() {
  static const std::vector<double> d{0.2, 0.4, 0.6, 0.96, 0.996};
  return d;
}

// (p,q) = (2,3), rows N = 2, 3.
inline std::vector<Cell> table_23() {
  std::vector<Cell> out;
  for (double d : deltas()) out.push_back({2, d, {"A_A", "A_a", "A-(1,1)"}, true});
  for (double d : {0.2, 0.4, 0.6}) out.push_back({3, d, {"A_A", "A_a", "A-(2,1)", "A-(1,2)", "a+,A-,a+"}, true});
  for (double d : {0.96, 0.996}) out.push_back({3, d, {"A_A", "A_a", "A-(2,1)", "A+(1,2)"}, true});
  return out;
}

// (p,q) = (3,4), rows N = 2..6; every cell in this range is fully listed.
inline std::vector<Cell> table_34() {
  std::vector<Cell> out;
  for (double d : deltas()) out.push_back({2, d, {"A_A", "A_a", "A-(1,1)"}, true});
  out.push_back({3, 0.2, {"A_A", "A_a", "A-(2,1)", "A+,a-,a-"}, true});
  for (double d : {0.4, 0.6, 0.96, 0.996}) out.push_back({3, d, {"A_A", "A_a", "A-(2,1)"}, true});
  for (double d : {0.2, 0.4, 0.6}) out.push_back({4, d, {"A_A", "A_a", "A-(3,1)", "A-(2,2)", "a+,A-,A-,a+"}, true});
  for (double d : {0.96, 0.996}) out.push_back({4, d, {"A_A", "A_a"}, true});
  out.push_back({5, 0.2,
                 {"A_A", "A_a", "A-(3,2)", "A-(2,3)", "A-(4,1)", "a+,a-,A+,A+,a-", "a+,A-,A-,A-,a+"},
                 true});
  out.push_back({5, 0.4, {"A_A", "A_a", "A-(3,2)", "A-(2,3)", "a+,a-,A+,A+,a-", "a+,A-,A-,A-,a+"}, true});
  out.push_back({5, 0.6, {"A_A", "A_a"}, true});
  for (double d : {0.96, 0.996}) out.push_back({5, d, {"A_A", "A_a", "A-(3,2)"}, true});
  out.push_back({6, 0.2,
                 {"A_A", "A_a", "A-(5,1)", "A-(3,3)", "A-(4,2)", "a+,a-,A+,A+,A+,a-", "A+,A+,a-,a-,A+,A+",
                  "a+,a-,a-,A+,A+,a-", "a+,A-,A-,A-,A-,a+"},
                 true});
  out.push_back({6, 0.4, {"A_A", "A_a", "A-(3,3)", "a+,a-,A+,A+,A+,a-"}, true});
  for (double d : {0.6, 0.96, 0.996}) out.push_back({6, d, {"A_A", "A_a"}, true});
  return out;
}

// (p,q) = (3,5): codes printed in red (inconclusive) in the published table.
inline std::vector<std::pair<int, std::string>> red_35() {
  return {
      {2, "A-(1,1)"},          {2, "A+(1,1)"},          {4, "A-(2,2)"},
      {4, "A+(2,2)"},          {4, "a+,A-,A-,a+"},      {4, "A+,A+,a-,a-"},
      {4, "A+,a+,a-,A+"},      {4, "a+,A+,A+,a-"},      {6, "A-(3,3)"},
      {6, "A+(3,3)"},          {6, "A+,A+,A+,a-,a-,a+"}, {6, "a+,a-,A+,A+,A+,a-"},
      {6, "a+,a-,A-,A-,A-,a+"}, {8, "A-(4,4)"},          {8, "A+(4,4)"},
      {10, "A+(5,5)"},
  };
}

}  // namespace tables
