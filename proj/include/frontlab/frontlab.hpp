#pragma once

// Umbrella header: traveling-front construction and spectral stability
// verification for damped nonlinear wave equations with bistable reaction.

#include "cli.hpp"
#include "errors.hpp"
#include "evans.hpp"
#include "interp.hpp"
#include "io.hpp"
#include "model.hpp"
#include "ode.hpp"
#include "profile.hpp"
#include "resolvent.hpp"
#include "spectrum.hpp"
#include "timestepper.hpp"
