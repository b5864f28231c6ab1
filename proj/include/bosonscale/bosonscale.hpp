#ifndef BOSONSCALE_BOSONSCALE_HPP
#define BOSONSCALE_BOSONSCALE_HPP

#include "bosonscale/asymptotics.hpp"
#include "bosonscale/errors.hpp"
#include "bosonscale/exact_averages.hpp"
#include "bosonscale/haar.hpp"
#include "bosonscale/log_domain.hpp"
#include "bosonscale/matrix.hpp"
#include "bosonscale/moments.hpp"
#include "bosonscale/montecarlo.hpp"
#include "bosonscale/permanent.hpp"
#include "bosonscale/records.hpp"

#endif  // BOSONSCALE_BOSONSCALE_HPP
