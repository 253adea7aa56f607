#pragma once

#include "errors.hpp"
#include "exponent.hpp"
#include "gaussian_rational.hpp"
#include "puiseux_series.hpp"
#include "diffsum.hpp"
#include "diffsum_parser.hpp"
#include "stirling.hpp"
#include "operator.hpp"
#include "series_solver.hpp"
#include "newton_polygon.hpp"
#include "pipeline.hpp"
#include "corpus.hpp"
#include "corpus_check.hpp"
#include "report.hpp"
#include "render.hpp"
