#pragma once

#include "channel.hpp"
#include "energy.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "mobility.hpp"
#include "physiology.hpp"
#include "protocol.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "units.hpp"
