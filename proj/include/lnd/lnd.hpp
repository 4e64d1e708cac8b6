#pragma once

#include "lnd/errors.hpp"
#include "lnd/rational.hpp"
#include "lnd/ring.hpp"
#include "lnd/monomial.hpp"
#include "lnd/polynomial.hpp"
#include "lnd/rational_function.hpp"
#include "lnd/format.hpp"
#include "lnd/ops.hpp"
#include "lnd/gcd.hpp"
#include "lnd/linear_solve.hpp"
#include "lnd/derivation.hpp"
#include "lnd/plane.hpp"
#include "lnd/constructions.hpp"
#include "lnd/rank_lab.hpp"
