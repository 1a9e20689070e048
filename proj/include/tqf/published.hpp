#pragma once
// Published class and type numbers: level, N1, N2, h, T. kTable1 covers
// every admissible level up to 100, kTable2 is the list of larger levels.

#include <array>
#include <cstdint>

namespace tqf::published {

struct TableRow {
    std::int64_t level, n1, n2, h, t;
};

inline constexpr std::array<TableRow, 144> kTable1{{
    {2, 2, 1, 1, 1},
    {3, 3, 1, 1, 1},
    {5, 5, 1, 1, 1},
    {6, 2, 3, 1, 1},
    {6, 3, 2, 1, 1},
    {7, 7, 1, 1, 1},
    {8, 8, 1, 1, 1},
    {10, 2, 5, 1, 1},
    {10, 5, 2, 1, 1},
    {11, 11, 1, 2, 2},
    {12, 3, 4, 1, 1},
    {13, 13, 1, 1, 1},
    {14, 2, 7, 2, 1},
    {14, 7, 2, 2, 2},
    {15, 3, 5, 2, 1},
    {15, 5, 3, 2, 2},
    {17, 17, 1, 2, 2},
    {18, 2, 9, 1, 1},
    {19, 19, 1, 2, 2},
    {20, 5, 4, 2, 1},
    {21, 3, 7, 2, 2},
    {21, 7, 3, 2, 1},
    {22, 2, 11, 1, 1},
    {22, 11, 2, 3, 2},
    {23, 23, 1, 3, 3},
    {24, 3, 8, 2, 1},
    {24, 8, 3, 2, 2},
    {26, 2, 13, 3, 2},
    {26, 13, 2, 3, 2},
    {27, 27, 1, 2, 2},
    {28, 7, 4, 3, 2},
    {29, 29, 1, 3, 3},
    {30, 2, 15, 2, 1},
    {30, 3, 10, 4, 2},
    {30, 5, 6, 4, 2},
    {30, 30, 1, 2, 1},
    {31, 31, 1, 3, 3},
    {32, 32, 1, 2, 2},
    {33, 3, 11, 2, 1},
    {33, 11, 3, 4, 3},
    {34, 2, 17, 2, 2},
    {34, 17, 2, 4, 2},
    {35, 5, 7, 4, 3},
    {35, 7, 5, 4, 2},
    {37, 37, 1, 3, 2},
    {38, 2, 19, 3, 2},
    {38, 19, 2, 5, 3},
    {39, 3, 13, 4, 3},
    {39, 13, 3, 4, 2},
    {40, 5, 8, 4, 2},
    {40, 8, 5, 2, 1},
    {41, 41, 1, 4, 4},
    {42, 2, 21, 4, 2},
    {42, 3, 14, 4, 2},
    {42, 7, 6, 6, 2},
    {42, 42, 1, 2, 1},
    {43, 43, 1, 4, 3},
    {44, 11, 4, 5, 3},
    {45, 5, 9, 4, 2},
    {46, 2, 23, 2, 1},
    {46, 23, 2, 6, 4},
    {47, 47, 1, 5, 5},
    {48, 3, 16, 4, 2},
    {50, 2, 25, 3, 2},
    {51, 3, 17, 4, 2},
    {51, 17, 3, 6, 4},
    {52, 13, 4, 6, 2},
    {53, 53, 1, 5, 4},
    {54, 2, 27, 3, 2},
    {54, 27, 2, 5, 3},
    {55, 5, 11, 4, 2},
    {55, 11, 5, 6, 4},
    {56, 7, 8, 6, 4},
    {56, 8, 7, 4, 2},
    {57, 3, 19, 4, 3},
    {57, 19, 3, 6, 2},
    {58, 2, 29, 3, 2},
    {58, 29, 2, 7, 3},
    {59, 59, 1, 6, 6},
    {60, 3, 20, 6, 2},
    {60, 5, 12, 8, 3},
    {61, 61, 1, 5, 4},
    {62, 2, 31, 4, 2},
    {62, 31, 2, 8, 5},
    {63, 7, 9, 6, 3},
    {65, 5, 13, 6, 3},
    {65, 13, 5, 6, 3},
    {66, 2, 33, 4, 2},
    {66, 3, 22, 6, 2},
    {66, 11, 6, 10, 3},
    {66, 66, 1, 4, 2},
    {67, 67, 1, 6, 4},
    {68, 17, 4, 8, 3},
    {69, 3, 23, 4, 2},
    {69, 23, 3, 8, 5},
    {70, 2, 35, 4, 2},
    {70, 5, 14, 8, 3},
    {70, 7, 10, 10, 3},
    {70, 70, 1, 2, 1},
    {71, 71, 1, 7, 7},
    {72, 8, 9, 4, 2},
    {73, 73, 1, 6, 4},
    {74, 2, 37, 5, 3},
    {74, 37, 2, 9, 4},
    {75, 3, 25, 6, 3},
    {76, 19, 4, 9, 4},
    {77, 7, 11, 6, 4},
    {77, 11, 7, 8, 3},
    {78, 2, 39, 6, 2},
    {78, 3, 26, 8, 3},
    {78, 13, 6, 12, 4},
    {78, 78, 1, 2, 1},
    {79, 79, 1, 7, 6},
    {80, 5, 16, 8, 3},
    {82, 2, 41, 4, 3},
    {82, 41, 2, 10, 4},
    {83, 83, 1, 8, 7},
    {84, 3, 28, 8, 3},
    {84, 7, 12, 12, 2},
    {85, 5, 17, 6, 3},
    {85, 17, 5, 8, 3},
    {86, 2, 43, 5, 3},
    {86, 43, 2, 11, 5},
    {87, 3, 29, 6, 3},
    {87, 29, 3, 10, 6},
    {88, 8, 11, 4, 3},
    {88, 11, 8, 10, 3},
    {89, 89, 1, 8, 7},
    {90, 2, 45, 6, 2},
    {90, 5, 18, 12, 3},
    {91, 7, 13, 8, 3},
    {91, 13, 7, 8, 4},
    {92, 23, 4, 11, 6},
    {93, 3, 31, 6, 4},
    {93, 31, 3, 10, 3},
    {94, 2, 47, 4, 2},
    {94, 47, 2, 12, 7},
    {95, 5, 19, 8, 4},
    {95, 19, 5, 10, 6},
    {96, 3, 32, 8, 3},
    {96, 32, 3, 6, 4},
    {97, 97, 1, 8, 5},
    {98, 2, 49, 6, 3},
    {99, 11, 9, 10, 5},
}};

inline constexpr std::array<TableRow, 23> kTable2{{
    {5, 5, 1, 1, 1},
    {15, 3, 5, 2, 1},
    {27, 27, 1, 2, 2},
    {35, 5, 7, 4, 3},
    {125, 125, 1, 9, 7},
    {135, 27, 5, 10, 4},
    {189, 27, 7, 12, 6},
    {243, 243, 1, 14, 10},
    {250, 125, 2, 25, 9},
    {343, 343, 1, 25, 16},
    {405, 5, 81, 36, 11},
    {750, 125, 6, 100, 18},
    {972, 243, 4, 81, 25},
    {1000, 125, 8, 100, 28},
    {1331, 1331, 1, 102, 54},
    {2187, 2187, 1, 122, 70},
    {3125, 3125, 1, 209, 117},
    {4116, 343, 12, 588, 77},
    {16807, 16807, 1, 1201, 625},
    {35152, 2197, 16, 4056, 1027},
    {78125, 78125, 1, 5209, 2667},
    {322102, 161051, 2, 36603, 9272},
    {823543, 823543, 1, 58825, 29584},
}};

}  // namespace tqf::published
