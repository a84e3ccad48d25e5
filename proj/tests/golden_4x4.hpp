#pragma once

// The worked 4x4 example used across the test suites: obstacles at cells 3,
// 10 and 14, devices at every free cell, all pairs in range.

#include <vector>

#include "risplan/blind_pairs.hpp"
#include "risplan/environment.hpp"

namespace golden {

inline risplan::Environment make_env() {
    return risplan::build_environment({4, 4, 1.0}, {3, 10, 14});
}

constexpr double kRadius = 10.0;

// the 37 pairs with no direct line of sight
inline std::vector<risplan::DevicePair> blind_pairs() {
    using risplan::DevicePair;
    return {
        {1, 4},  {1, 8},   {1, 11},  {1, 15},  {1, 16},  {2, 4},   {2, 7},  {2, 8},
        {2, 13}, {2, 12},  {2, 15},  {4, 5},   {4, 6},   {4, 7},   {4, 9},  {4, 13},
        {5, 12}, {5, 11},  {5, 15},  {5, 16},  {6, 9},   {6, 11},  {6, 13}, {6, 15},
        {6, 16}, {7, 9},   {7, 13},  {8, 9},   {8, 13},  {9, 11},  {9, 12}, {9, 15},
        {9, 16}, {11, 13}, {12, 13}, {13, 15}, {13, 16},
    };
}

// Blind pairs that no single reflection can serve, whatever the placement.
// Derived from the reference blind table itself: a pair (u,v) is
// single-coverable iff some free cell z has both (u,z) and (z,v) absent from
// the table. (12,13) is NOT here: cell 1 serves it, since neither (1,12) nor
// (1,13) is blind.
inline std::vector<risplan::DevicePair> single_uncoverable() {
    using risplan::DevicePair;
    return {{4, 9}, {4, 13}, {9, 15}, {11, 13}, {13, 15}, {13, 16}};
}

inline std::vector<risplan::CellId> free_cells() {
    return {1, 2, 4, 5, 6, 7, 8, 9, 11, 12, 13, 15, 16};
}

} // namespace golden
