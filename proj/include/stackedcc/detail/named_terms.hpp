#pragma once

// Term tables of the base-system polynomial b1 and of p1, p2, transcribed in
// printed order. Exponents are (r15, r16, r45).

namespace stackedcc::detail {

struct PrintedTerm {
  long coef;
  unsigned e15, e16, e45;
};

inline constexpr PrintedTerm kB1Terms[] = {
    {-1, 10, 0, 6},
    {2, 10, 3, 3},
    {1, 8, 8, 0},
    {-1, 8, 6, 0},
    {2, 8, 2, 6},
    {-4, 8, 5, 3},
    {-1, 8, 6, 2},
    {-2, 7, 6, 3},
    {-1, 6, 10, 0},
    {-1, 6, 0, 10},
    {1, 6, 8, 0},
    {2, 6, 2, 8},
    {2, 6, 0, 8},
    {2, 6, 3, 7},
    {-2, 6, 4, 6},
    {2, 6, 2, 6},
    {-1, 6, 0, 6},
    {-4, 6, 5, 5},
    {-4, 6, 3, 5},
    {4, 6, 7, 3},
    {-4, 6, 5, 3},
    {2, 6, 3, 3},
    {1, 6, 8, 2},
    {1, 6, 6, 2},
    {2, 5, 6, 5},
    {2, 5, 8, 3},
    {2, 5, 6, 3},
    {1, 4, 6, 6},
    {-2, 3, 6, 7},
    {2, 3, 8, 5},
    {2, 3, 6, 5},
    {-2, 3, 10, 3},
    {2, 3, 8, 3},
    {-2, 3, 6, 3},
    {-1, 2, 6, 8},
    {-1, 2, 8, 6},
    {-1, 2, 6, 6},
    {1, 0, 6, 10},
    {-1, 0, 8, 8},
    {-1, 0, 6, 8},
    {1, 0, 10, 6},
    {-1, 0, 8, 6},
    {1, 0, 6, 6}};

inline constexpr PrintedTerm kP1Terms[] = {
    {6, 11, 0, 0},
    {-24, 9, 2, 0},
    {-1, 9, 0, 2},
    {36, 7, 4, 0},
    {8, 7, 0, 4},
    {-5, 7, 2, 2},
    {-16, 7, 0, 2},
    {1, 6, 0, 5},
    {-30, 5, 6, 0},
    {-3, 5, 0, 6},
    {18, 5, 4, 0},
    {-16, 5, 2, 4},
    {-2, 5, 0, 4},
    {-18, 5, 2, 0},
    {22, 5, 4, 2},
    {22, 5, 2, 2},
    {1, 5, 0, 2},
    {6, 5, 0, 0},
    {-8, 4, 0, 7},
    {5, 4, 2, 5},
    {-2, 4, 0, 5},
    {12, 3, 8, 0},
    {6, 3, 0, 8},
    {-18, 3, 6, 0},
    {-15, 3, 2, 6},
    {-8, 3, 0, 6},
    {18, 3, 4, 0},
    {26, 3, 4, 4},
    {8, 3, 0, 4},
    {-6, 3, 2, 0},
    {-22, 3, 6, 2},
    {4, 3, 4, 2},
    {-3, 3, 2, 2},
    {-2, 3, 0, 2},
    {9, 2, 0, 9},
    {-2, 2, 2, 7},
    {2, 2, 0, 7},
    {-4, 2, 4, 5},
    {-4, 2, 2, 5},
    {-1, 2, 0, 5},
    {-6, 0, 0, 11},
    {9, 0, 2, 9},
    {8, 0, 0, 9},
    {-8, 0, 4, 7},
    {-8, 0, 0, 7},
    {4, 0, 6, 5},
    {-4, 0, 4, 5},
    {3, 0, 2, 5},
    {2, 0, 0, 5}};

inline constexpr PrintedTerm kP2Terms[] = {
    {24, 6, 16, 0},
    {-60, 8, 14, 0},
    {4, 0, 14, 8},
    {-36, 6, 14, 0},
    {-8, 3, 14, 5},
    {-32, 6, 14, 2},
    {-24, 6, 13, 3},
    {60, 10, 12, 0},
    {-8, 0, 12, 10},
    {60, 8, 12, 0},
    {-4, 2, 12, 8},
    {-4, 0, 12, 8},
    {16, 3, 12, 7},
    {24, 6, 12, 0},
    {8, 5, 12, 5},
    {8, 3, 12, 5},
    {16, 6, 12, 4},
    {56, 8, 12, 2},
    {-4, 6, 12, 2},
    {24, 6, 11, 5},
    {60, 8, 11, 3},
    {36, 6, 11, 3},
    {-30, 12, 10, 0},
    {9, 0, 10, 12},
    {-30, 10, 10, 0},
    {-2, 2, 10, 10},
    {-18, 3, 10, 9},
    {-30, 8, 10, 0},
    {5, 4, 10, 8},
    {-4, 2, 10, 8},
    {3, 0, 10, 8},
    {4, 5, 10, 7},
    {-6, 6, 10, 0},
    {3, 6, 10, 6},
    {-10, 7, 10, 5},
    {8, 5, 10, 5},
    {-6, 3, 10, 5},
    {-32, 8, 10, 4},
    {6, 6, 10, 4},
    {-25, 10, 10, 2},
    {8, 8, 10, 2},
    {9, 6, 10, 2},
    {6, 6, 9, 7},
    {-42, 8, 9, 5},
    {6, 6, 9, 5},
    {-60, 10, 9, 3},
    {-60, 8, 9, 3},
    {-24, 6, 9, 3},
    {6, 14, 8, 0},
    {-6, 0, 8, 14},
    {6, 12, 8, 0},
    {9, 2, 8, 12},
    {8, 0, 8, 12},
    {12, 3, 8, 11},
    {6, 10, 8, 0},
    {-8, 4, 8, 10},
    {2, 2, 8, 10},
    {-8, 0, 8, 10},
    {-18, 5, 8, 9},
    {-16, 3, 8, 9},
    {6, 8, 8, 0},
    {7, 6, 8, 8},
    {-2, 4, 8, 8},
    {-1, 2, 8, 8},
    {2, 0, 8, 8},
    {16, 7, 8, 7},
    {-4, 5, 8, 7},
    {16, 3, 8, 7},
    {15, 8, 8, 6},
    {8, 6, 8, 6},
    {-2, 9, 8, 5},
    {4, 7, 8, 5},
    {2, 5, 8, 5},
    {-4, 3, 8, 5},
    {-2, 10, 8, 4},
    {-4, 8, 8, 4},
    {-8, 6, 8, 4},
    {7, 12, 8, 2},
    {-14, 10, 8, 2},
    {-7, 8, 8, 2},
    {2, 6, 8, 2},
    {-18, 6, 7, 9},
    {-12, 8, 7, 7},
    {-6, 6, 7, 7},
    {24, 10, 7, 5},
    {-6, 8, 7, 5},
    {-6, 6, 7, 5},
    {30, 12, 7, 3},
    {30, 10, 7, 3},
    {30, 8, 7, 3},
    {6, 6, 7, 3},
    {-30, 6, 6, 10},
    {-18, 8, 6, 8},
    {-6, 6, 6, 8},
    {9, 6, 5, 11},
    {15, 8, 5, 9},
    {-21, 6, 5, 9},
    {15, 10, 5, 7},
    {12, 8, 5, 7},
    {15, 6, 5, 7},
    {-9, 12, 5, 5},
    {-3, 10, 5, 5},
    {3, 8, 5, 5},
    {-3, 6, 5, 5},
    {-6, 14, 5, 3},
    {-6, 12, 5, 3},
    {-6, 10, 5, 3},
    {-6, 8, 5, 3},
    {24, 6, 4, 12},
    {42, 8, 4, 10},
    {6, 10, 4, 8},
    {-6, 8, 4, 8},
    {-9, 8, 3, 11},
    {3, 10, 3, 9},
    {21, 8, 3, 9},
    {-9, 12, 3, 7},
    {-6, 10, 3, 7},
    {-15, 8, 3, 7},
    {3, 14, 3, 5},
    {3, 12, 3, 5},
    {3, 10, 3, 5},
    {3, 8, 3, 5},
    {-9, 6, 2, 14},
    {-21, 8, 2, 12},
    {21, 6, 2, 12},
    {-21, 10, 2, 10},
    {-6, 8, 2, 10},
    {-15, 6, 2, 10},
    {3, 12, 2, 8},
    {15, 10, 2, 8},
    {3, 8, 2, 8},
    {3, 6, 2, 8},
    {9, 8, 0, 14},
    {-3, 10, 0, 12},
    {-21, 8, 0, 12},
    {9, 12, 0, 10},
    {6, 10, 0, 10},
    {15, 8, 0, 10},
    {-3, 14, 0, 8},
    {-3, 12, 0, 8},
    {-3, 10, 0, 8},
    {-3, 8, 0, 8}};


}  // namespace stackedcc::detail
