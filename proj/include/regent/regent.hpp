#pragma once

// Umbrella header: exact computation of regular-open structure, cover
// combinatorics and topological entropy limits on finite topological
// spaces and subshifts of finite type.

#include "regent/cover.hpp"
#include "regent/entropy.hpp"
#include "regent/error.hpp"
#include "regent/finite_space.hpp"
#include "regent/generators.hpp"
#include "regent/io.hpp"
#include "regent/min_cover.hpp"
#include "regent/nearly_compact.hpp"
#include "regent/point_set.hpp"
#include "regent/product.hpp"
#include "regent/r_map.hpp"
#include "regent/rng.hpp"
#include "regent/sft.hpp"
#include "regent/theorem_suite.hpp"
