#pragma once

// Everything except serialize.hpp, which additionally needs nlohmann/json.

#include "ulc/analysis.hpp"
#include "ulc/coder.hpp"
#include "ulc/cost_dsl.hpp"
#include "ulc/costs.hpp"
#include "ulc/error.hpp"
#include "ulc/letter_table.hpp"
#include "ulc/numeric.hpp"
#include "ulc/oracle.hpp"
#include "ulc/prob_input.hpp"
