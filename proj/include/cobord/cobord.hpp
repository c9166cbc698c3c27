#ifndef COBORD_COBORD_HPP
#define COBORD_COBORD_HPP

#include <cobord/errors.hpp>
#include <cobord/rational.hpp>
#include <cobord/coeff_ring.hpp>
#include <cobord/symbol.hpp>
#include <cobord/monomial.hpp>
#include <cobord/polynomial.hpp>
#include <cobord/polynomial_io.hpp>
#include <cobord/series.hpp>
#include <cobord/fgl.hpp>
#include <cobord/gdpr.hpp>
#include <cobord/opalg.hpp>
#include <cobord/fixedpoint.hpp>

#endif
