#pragma once

#include "k3fix/cyclotomic.hpp"
#include "k3fix/enumerate.hpp"
#include "k3fix/errors.hpp"
#include "k3fix/integer_search.hpp"
#include "k3fix/io.hpp"
#include "k3fix/lattice.hpp"
#include "k3fix/lefschetz.hpp"
#include "k3fix/linear_system.hpp"
#include "k3fix/number_theory.hpp"
#include "k3fix/polynomial.hpp"
#include "k3fix/rational.hpp"
#include "k3fix/weierstrass.hpp"
