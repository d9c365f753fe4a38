// Umbrella header.

#pragma once

#include "measurekit/xreal.hpp"
#include "measurekit/setalg.hpp"
#include "measurekit/fn.hpp"
#include "measurekit/measure.hpp"
#include "measurekit/integrate.hpp"
#include "measurekit/poly.hpp"
#include "measurekit/interval.hpp"
#include "measurekit/stieltjes.hpp"
#include "measurekit/rng.hpp"
#include "measurekit/product.hpp"
#include "measurekit/conditioning.hpp"
#include "measurekit/series.hpp"
#include "measurekit/sampling.hpp"
#include "measurekit/checks.hpp"
#include "measurekit/io.hpp"
#include "measurekit/workspace.hpp"
