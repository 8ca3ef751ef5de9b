#pragma once

// Umbrella header: structural node embeddings end to end.

#include "rolevec/classifier.hpp"
#include "rolevec/distance.hpp"
#include "rolevec/dtw.hpp"
#include "rolevec/embedding.hpp"
#include "rolevec/evaluation.hpp"
#include "rolevec/generators.hpp"
#include "rolevec/graph.hpp"
#include "rolevec/manifest.hpp"
#include "rolevec/matrix.hpp"
#include "rolevec/multilayer.hpp"
#include "rolevec/pipeline.hpp"
#include "rolevec/rng.hpp"
#include "rolevec/stats.hpp"
#include "rolevec/walk.hpp"
