#pragma once

// Published reference values that the verify suites compare against.
// Polynomials are written in the display syntax accepted by parse_laurent.

#include "klext/poly.hpp"

#include <array>
#include <string>
#include <vector>

namespace klext::reference {

/// Parses the display syntax produced by LaurentPoly::to_string.
LaurentPoly parse_laurent(const std::string& text);
/// Parses "u^2+2uv+v^2"-style two-variable polynomials.
BiPoly parse_bipoly(const std::string& text);

inline const std::array<const char*, 6> kA2Order = {"e", "s", "t", "st", "ts", "w0"};

// rows x, columns y
inline const std::array<std::array<const char*, 6>, 6> kA2RTable = {{
    {"1", "0", "0", "0", "0", "0"},
    {"v-v^-1", "1", "0", "0", "0", "0"},
    {"v-v^-1", "0", "1", "0", "0", "0"},
    {"v^2-2+v^-2", "v-v^-1", "v-v^-1", "1", "0", "0"},
    {"v^2-2+v^-2", "v-v^-1", "v-v^-1", "0", "1", "0"},
    {"v^3-2v+2v^-1-v^-3", "v^2-2+v^-2", "v^2-2+v^-2", "v-v^-1", "v-v^-1", "1"},
}};

// Expected-extension generating functions in (u, v) = (shift-degree, homological degree).
inline const std::array<std::array<const char*, 6>, 6> kA2ExpectedTable = {{
    {"1", "0", "0", "0", "0", "0"},
    {"u+v", "1", "0", "0", "0", "0"},
    {"u+v", "0", "1", "0", "0", "0"},
    {"u^2+2uv+v^2", "u+v", "u+v", "1", "0", "0"},
    {"u^2+2uv+v^2", "u+v", "u+v", "0", "1", "0"},
    {"u^3+2u^2v+2uv^2+v^3", "u^2+2uv+v^2", "u^2+2uv+v^2", "u+v", "u+v", "1"},
}};

inline const std::array<const char*, 2> kA1Order = {"e", "s"};
inline const std::array<std::array<const char*, 2>, 2> kA1ExpectedTable = {{
    {"1", "0"},
    {"u+v", "1"},
}};

struct KLFact {
  const char* y;
  const char* p;
};
inline const std::array<KLFact, 2> kA3NontrivialFromE = {{{"srts", "v^4+v^2"}, {"rstsr", "v^5+v^3"}}};

inline const std::array<int, 7> kA3FigureEdge = {1, 3, 5, 6, 5, 3, 1};
struct GridCell {
  int a;
  int b;
  int value;
};
inline const std::array<GridCell, 3> kA3FigureOffEdge = {{{1, -2, 1}, {2, 0, 2}, {3, 2, 1}}};

inline const std::vector<int> kD4LongestToIdentity = {1, -4, 7, -8, 6, 0, -4, 0, 6, -8, 7, -4, 1};
inline const std::vector<int> kD4Violations = {0};

// Display only: the E7 group is far above the enumeration cap.
inline const std::vector<int> kE7LongestToIdentity = {
    -1,    7,    -22,   42,    -57,  63,    -65,  71,   -87,   113,  -137,  127,   -55,  -47,  111,   -137,
    173,   -171, 23,    223,   -399, 505,   -708, 1052, -1396, 1580, -1530, 1302,  -984, 456,  430,   -1250,
    1250,  -430, -456,  984,   -1302, 1530, -1580, 1396, -1052, 708,  -505,  399,   -223, -23,  171,   -173,
    137,   -111, 47,    55,    -127, 137,   -113, 87,   -71,   65,   -63,   57,    -42,  22,   -7,    1};

// B3 with s0 = s1 = s2 (double bond between s0 and s1): hom grids from the
// source w0, target e and target s0 (the latter shifted by (1, 1)).
inline const std::array<GridCell, 2> kB3IdentityGrid = {{{2, -1, 3}, {3, -1, 7}}};
inline const std::array<GridCell, 2> kB3S0GridShifted = {{{2, -1, 2}, {3, -1, 7}}};

// S_6, w = s3: one additional record and the expected part.
inline constexpr int kS6AdditionalDegree = 10;
inline constexpr int kS6ExpectedPartDim = 5;

} // namespace klext::reference
