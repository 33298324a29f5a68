#pragma once

#include "gravent/budget.hpp"
#include "gravent/constants.hpp"
#include "gravent/errors.hpp"
#include "gravent/feasibility/delocalization.hpp"
#include "gravent/feasibility/presets.hpp"
#include "gravent/feasibility/solver.hpp"
#include "gravent/feasibility/validation.hpp"
#include "gravent/io/csv.hpp"
#include "gravent/io/json.hpp"
#include "gravent/io/report.hpp"
#include "gravent/io/sweep_export.hpp"
#include "gravent/protocols/csign.hpp"
#include "gravent/protocols/gaussian.hpp"
#include "gravent/protocols/trace.hpp"
#include "gravent/quantities.hpp"
#include "gravent/rates.hpp"
#include "gravent/sweep.hpp"
