#pragma once

#include "aqp/errors.hpp"
#include "aqp/evolution.hpp"
#include "aqp/gf2.hpp"
#include "aqp/hamiltonians.hpp"
#include "aqp/measurement.hpp"
#include "aqp/oracles.hpp"
#include "aqp/protocols.hpp"
#include "aqp/qstate.hpp"
#include "aqp/random.hpp"
#include "aqp/record.hpp"
