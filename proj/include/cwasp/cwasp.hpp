#pragma once

#include "cwasp/cycle_rank.hpp"
#include "cwasp/dp_asp.hpp"
#include "cwasp/dp_classical.hpp"
#include "cwasp/error.hpp"
#include "cwasp/expression.hpp"
#include "cwasp/generators.hpp"
#include "cwasp/graph.hpp"
#include "cwasp/ktriple.hpp"
#include "cwasp/label_set.hpp"
#include "cwasp/oracle.hpp"
#include "cwasp/program.hpp"
