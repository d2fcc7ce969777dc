#pragma once

#include "potsig/canonical.hpp"
#include "potsig/degree_sequence.hpp"
#include "potsig/errors.hpp"
#include "potsig/formula.hpp"
#include "potsig/graph.hpp"
#include "potsig/oracle.hpp"
#include "potsig/pattern.hpp"
#include "potsig/report.hpp"
#include "potsig/sequences.hpp"
#include "potsig/theorem.hpp"
#include "potsig/verify.hpp"
