#pragma once

#include "lgbqpc/abnormal.hpp"
#include "lgbqpc/best_cut.hpp"
#include "lgbqpc/dataset.hpp"
#include "lgbqpc/gb_tree.hpp"
#include "lgbqpc/generation.hpp"
#include "lgbqpc/granular_ball.hpp"
#include "lgbqpc/graph_clustering.hpp"
#include "lgbqpc/interval_set.hpp"
#include "lgbqpc/metrics.hpp"
#include "lgbqpc/polynomial.hpp"
#include "lgbqpc/quality.hpp"
