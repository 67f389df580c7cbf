#pragma once

// AERO-EA: constraint-compliant aircraft-maintenance instance generation and
// a steady-state evolutionary solver over permutation-of-genes schedules.

#include "aeroea/bench.hpp"
#include "aeroea/chromosome.hpp"
#include "aeroea/csv_io.hpp"
#include "aeroea/decoder.hpp"
#include "aeroea/domain.hpp"
#include "aeroea/ea.hpp"
#include "aeroea/generator.hpp"
#include "aeroea/oracle.hpp"
#include "aeroea/rng.hpp"
#include "aeroea/schedule_io.hpp"
