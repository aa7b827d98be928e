#pragma once

// Umbrella header for the two-photon linear-optics simulator.

#include "biphoton/circuit.hpp"
#include "biphoton/csv.hpp"
#include "biphoton/detection.hpp"
#include "biphoton/elements.hpp"
#include "biphoton/evolve.hpp"
#include "biphoton/format.hpp"
#include "biphoton/numfmt.hpp"
#include "biphoton/parser.hpp"
#include "biphoton/program.hpp"
#include "biphoton/run.hpp"
#include "biphoton/sampling.hpp"
#include "biphoton/scans.hpp"
#include "biphoton/state.hpp"
#include "biphoton/statistics.hpp"
#include "biphoton/table.hpp"
#include "biphoton/units.hpp"
#include "biphoton/validate.hpp"
#include "biphoton/wavepacket.hpp"
