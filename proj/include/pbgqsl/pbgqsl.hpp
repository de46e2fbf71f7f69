// pbgqsl.hpp: Umbrella header

#pragma once

#include "pbgqsl/cubic.hpp"
#include "pbgqsl/dynamics.hpp"
#include "pbgqsl/errors.hpp"
#include "pbgqsl/laplace.hpp"
#include "pbgqsl/nonmarkov.hpp"
#include "pbgqsl/parallel.hpp"
#include "pbgqsl/qsl.hpp"
#include "pbgqsl/reservoirs.hpp"
#include "pbgqsl/specfun.hpp"
#include "pbgqsl/sweep.hpp"
#include "pbgqsl/trace.hpp"
