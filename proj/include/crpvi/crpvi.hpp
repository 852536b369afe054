#pragma once

#include "crpvi/rational.hpp"
#include "crpvi/cyclotomic.hpp"
#include "crpvi/mat3.hpp"
#include "crpvi/reflection_groups.hpp"
#include "crpvi/triples.hpp"
#include "crpvi/braid.hpp"
#include "crpvi/params.hpp"
#include "crpvi/isomonodromy.hpp"
#include "crpvi/checks.hpp"
