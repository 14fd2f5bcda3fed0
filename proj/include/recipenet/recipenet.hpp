// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

// Umbrella header.

#ifndef RECIPENET_RECIPENET_HPP_
#define RECIPENET_RECIPENET_HPP_

#include "recipenet/centrality.hpp"
#include "recipenet/community.hpp"
#include "recipenet/corpus.hpp"
#include "recipenet/corpus_stats.hpp"
#include "recipenet/error.hpp"
#include "recipenet/features.hpp"
#include "recipenet/gbt.hpp"
#include "recipenet/ingredient_parser.hpp"
#include "recipenet/log.hpp"
#include "recipenet/networks.hpp"
#include "recipenet/pair_dataset.hpp"
#include "recipenet/pipeline.hpp"
#include "recipenet/review_miner.hpp"
#include "recipenet/rng.hpp"
#include "recipenet/rules.hpp"
#include "recipenet/stats.hpp"
#include "recipenet/svd.hpp"
#include "recipenet/synthetic.hpp"
#include "recipenet/text.hpp"

#endif  // RECIPENET_RECIPENET_HPP_
