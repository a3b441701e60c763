#ifndef LEOSIM_LEOSIM_HPP
#define LEOSIM_LEOSIM_HPP

#include "leosim/config.hpp"
#include "leosim/constants.hpp"
#include "leosim/delay.hpp"
#include "leosim/ga.hpp"
#include "leosim/graph.hpp"
#include "leosim/harness.hpp"
#include "leosim/orbit.hpp"
#include "leosim/profile.hpp"
#include "leosim/scheduler.hpp"
#include "leosim/synthetic.hpp"
#include "leosim/traffic.hpp"
#include "leosim/zones.hpp"

#endif
