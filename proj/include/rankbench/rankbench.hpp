#pragma once
// Umbrella header.

#include "rankbench/assessment_data.hpp"
#include "rankbench/descriptive.hpp"
#include "rankbench/error.hpp"
#include "rankbench/plots.hpp"
#include "rankbench/rank_stats.hpp"
#include "rankbench/ranking.hpp"
#include "rankbench/report.hpp"
#include "rankbench/rng.hpp"
#include "rankbench/scene.hpp"
#include "rankbench/simgen.hpp"
#include "rankbench/stability.hpp"
#include "rankbench/task_similarity.hpp"
