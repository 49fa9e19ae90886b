#pragma once

#include "faraday/acceptance.hpp"
#include "faraday/config.hpp"
#include "faraday/constants.hpp"
#include "faraday/csv.hpp"
#include "faraday/curve_analysis.hpp"
#include "faraday/figures.hpp"
#include "faraday/langevin.hpp"
#include "faraday/multiphoton.hpp"
#include "faraday/reflection.hpp"
#include "faraday/single_photon.hpp"
#include "faraday/sweep.hpp"
#include "faraday/system_params.hpp"
#include "faraday/verification.hpp"
