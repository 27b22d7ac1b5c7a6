#pragma once

// Umbrella header for the qfca library: exact computation in categories
// enriched in a finite commutative quantale, with Isbell and Kan adjunctions
// and their fixed-point concept lattices.

#include "adjunction.hpp"
#include "completeness.hpp"
#include "context.hpp"
#include "errors.hpp"
#include "quantale.hpp"
#include "representation.hpp"
#include "serialize.hpp"
#include "vcat.hpp"
