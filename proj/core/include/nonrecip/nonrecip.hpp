#pragma once

#include "nonrecip/config.hpp"
#include "nonrecip/constants.hpp"
#include "nonrecip/couplings.hpp"
#include "nonrecip/errors.hpp"
#include "nonrecip/frame.hpp"
#include "nonrecip/meanfield.hpp"
#include "nonrecip/optimizer.hpp"
#include "nonrecip/oracle.hpp"
#include "nonrecip/params.hpp"
#include "nonrecip/rwa_audit.hpp"
#include "nonrecip/scattering.hpp"
#include "nonrecip/scenario.hpp"
