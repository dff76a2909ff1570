#ifndef PADICCF_PADICCF_HPP
#define PADICCF_PADICCF_HPP

#include "padiccf/analytic.hpp"
#include "padiccf/bigint.hpp"
#include "padiccf/cf.hpp"
#include "padiccf/errors.hpp"
#include "padiccf/independence.hpp"
#include "padiccf/lemmas.hpp"
#include "padiccf/padic.hpp"
#include "padiccf/rational.hpp"
#include "padiccf/valuation.hpp"

#endif
