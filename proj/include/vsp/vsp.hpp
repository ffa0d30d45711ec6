#pragma once

#include "vsp/error.hpp"
#include "vsp/field.hpp"
#include "vsp/geometry.hpp"
#include "vsp/divisible.hpp"
#include "vsp/typecalc.hpp"
#include "vsp/constructions.hpp"
#include "vsp/datasets.hpp"
#include "vsp/cover_search.hpp"
