#pragma once

/// @file reference_table.hpp
/// Published E-count polynomials for n = 3..6, k = 2..n, kept in their
/// original typeset form. Compared after parsing into canonical IntPoly.

#include <array>
#include <string_view>

namespace eigencount {

struct ReferenceRow {
  unsigned n;
  unsigned k;
  std::string_view text;
};

inline constexpr std::array<ReferenceRow, 14> kReferenceTable{{
    {3, 2, "2q^4+2q^3+2q^2"},
    {3, 3, "q^6+2q^5+2q^4+q^3"},
    {4, 2, "q^8+q^7+4q^6+3q^5+3q^4+2q^3"},
    {4, 3, "3q^{10}+6q^9+9q^8+9q^7+6q^6+3q^5"},
    {4, 4, "q^{12}+3q^{11}+5q^{10}+6q^9+5q^8+3q^7+q^6"},
    {5, 2, "2q^{12}+2q^{11}+4q^{10}+4q^9+6q^8+4q^7+4q^6+2q^5+2q^4"},
    {5, 3, "3q^{16}+6q^{15}+15q^{14}+21q^{13}+27q^{12}+27q^{11}+24q^{10}+15q^{9}+ 9q^8+3q^7"},
    {5, 4, "4q^{18}+12q^{17}+24q^{16}+36q^{15}+44q^{14}+44q^{13}+36q^{12}+24q^{11}+ 12q^{10}+4q^9"},
    {5, 5, "q^{20}+4q^{19}+9q^{18}+15q^{17}+20q^{16}+22q^{15}+20q^{14}+15q^{13}+ 9q^{12}+4q^{11}+q^{10}"},
    {6, 2, "q^{18}+q^{17}+4q^{16}+5q^{15}+7q^{14}+7q^{13}+9q^{12}+6q^{11}+7q^{10}+5q^9+ 4q^8+2q^7+2q^6+2q^5"},
    {6, 3,
     "q^{24}+2q^{23}+11q^{22}+19q^{21}+35q^{20}+48q^{19}+65q^{18}+72q^{17}+74q^{16}+ "
     "67q^{15}+56q^{14}+41q^{13}+25q^{12}+15q^{11}+6q^{10}+3q^9"},
    {6, 4,
     "6q^{26}+18q^{25}+46q^{24}+84q^{23}+132q^{22}+178q^{21}+212q^{20}+224q^{19}+ "
     "210q^{18}+176q^{17}+128q^{16}+82q^{15}+42q^{14}+18q^{13}+4q^{12}"},
    {6, 5,
     "5q^{28}+20q^{27}+50q^{26}+95q^{25}+150q^{24}+205q^{23}+245q^{22}+260q^{21}+ "
     "245q^{20}+205q^{19}+150q^{18}+95q^{17}+50q^{16}+20q^{15}+5q^{14}"},
    {6, 6,
     "q^{30}+5q^{29}+14q^{28}+29q^{27}+49q^{26}+71q^{25}+90q^{24}+101q^{23}+101q^{22}+ "
     "90q^{21}+71q^{20}+49q^{19}+29q^{18}+14q^{17}+5q^{16}+q^{15}"},
}};

}  // namespace eigencount
