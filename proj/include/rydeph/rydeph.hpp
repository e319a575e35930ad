#pragma once

#include "rydeph/config.hpp"
#include "rydeph/csv.hpp"
#include "rydeph/dynamics.hpp"
#include "rydeph/errors.hpp"
#include "rydeph/fitting.hpp"
#include "rydeph/mitigation.hpp"
#include "rydeph/model.hpp"
#include "rydeph/ode.hpp"
#include "rydeph/parallel.hpp"
#include "rydeph/pulse_train.hpp"
#include "rydeph/runner.hpp"
#include "rydeph/spectroscopy.hpp"
#include "rydeph/units.hpp"
#include "rydeph/version.hpp"
