#pragma once

#include "rnstab/asymptotics.hpp"
#include "rnstab/config.hpp"
#include "rnstab/model.hpp"
#include "rnstab/parallel.hpp"
#include "rnstab/polynomial.hpp"
#include "rnstab/report.hpp"
#include "rnstab/simulator.hpp"
#include "rnstab/spectrum.hpp"
#include "rnstab/stability.hpp"
#include "rnstab/sweep.hpp"
