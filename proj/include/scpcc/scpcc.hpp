#pragma once

#include "scpcc/analysis.hpp"
#include "scpcc/boxplus.hpp"
#include "scpcc/channel.hpp"
#include "scpcc/codec.hpp"
#include "scpcc/coupling.hpp"
#include "scpcc/csoc.hpp"
#include "scpcc/frame_io.hpp"
#include "scpcc/harness.hpp"
#include "scpcc/interleaver.hpp"
#include "scpcc/presets.hpp"
#include "scpcc/threshold.hpp"
#include "scpcc/window.hpp"
