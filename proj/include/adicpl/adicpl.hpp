#pragma once

#include "adicpl/builtins.hpp"
#include "adicpl/errors.hpp"
#include "adicpl/invariants.hpp"
#include "adicpl/json_io.hpp"
#include "adicpl/perron.hpp"
#include "adicpl/pl.hpp"
#include "adicpl/polynomial.hpp"
#include "adicpl/rational.hpp"
#include "adicpl/sft.hpp"
#include "adicpl/tables.hpp"
