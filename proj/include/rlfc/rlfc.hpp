#pragma once

#include "rlfc/analytics.hpp"
#include "rlfc/channel_sim.hpp"
#include "rlfc/decoder.hpp"
#include "rlfc/encoder.hpp"
#include "rlfc/errors.hpp"
#include "rlfc/gf2.hpp"
#include "rlfc/random.hpp"
#include "rlfc/reports.hpp"
#include "rlfc/table.hpp"
#include "rlfc/wire.hpp"
