#ifndef DECOMP_DECOMP_HPP
#define DECOMP_DECOMP_HPP

#include "complex.hpp"
#include "decomposability.hpp"
#include "delta_family.hpp"
#include "diameter.hpp"
#include "error.hpp"
#include "face.hpp"
#include "obstruction.hpp"
#include "transportation.hpp"

#endif // DECOMP_DECOMP_HPP
