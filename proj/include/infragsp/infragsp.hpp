#pragma once

#include "csv.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "graph_filters.hpp"
#include "graph_model.hpp"
#include "ingestion.hpp"
#include "rng.hpp"
#include "signal_metrics.hpp"
#include "spectral.hpp"
#include "weight_search.hpp"
