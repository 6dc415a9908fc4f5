#pragma once

// Umbrella header: exact-arithmetic approximation of isotone functions on
// finite posets by certified expressions over a generating family.

#include "isotone/cone.hpp"
#include "isotone/construct.hpp"
#include "isotone/errors.hpp"
#include "isotone/funcspace.hpp"
#include "isotone/json_io.hpp"
#include "isotone/pl.hpp"
#include "isotone/poset.hpp"
#include "isotone/rational.hpp"
#include "isotone/verify.hpp"
