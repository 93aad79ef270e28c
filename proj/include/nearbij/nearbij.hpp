#pragma once

#include "self_map.hpp"
#include "analysis.hpp"
#include "constructions.hpp"
#include "group.hpp"
#include "finite_oracle.hpp"
#include "random_maps.hpp"
#include "serialization.hpp"
