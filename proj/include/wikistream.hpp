// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wikistream/core/error.hpp"
#include "wikistream/core/feature_vector.hpp"
#include "wikistream/core/random.hpp"
#include "wikistream/core/time.hpp"
#include "wikistream/eval/export.hpp"
#include "wikistream/eval/metrics.hpp"
#include "wikistream/eval/prequential.hpp"
#include "wikistream/explain/explanation.hpp"
#include "wikistream/explain/feedback.hpp"
#include "wikistream/explain/llm_client.hpp"
#include "wikistream/explain/paths.hpp"
#include "wikistream/explain/prompt.hpp"
#include "wikistream/explain/quartiles.hpp"
#include "wikistream/history/entity_history.hpp"
#include "wikistream/ingest/event.hpp"
#include "wikistream/ingest/scenario.hpp"
#include "wikistream/ingest/synth.hpp"
#include "wikistream/model/adaptive_forest.hpp"
#include "wikistream/model/adwin.hpp"
#include "wikistream/model/alma.hpp"
#include "wikistream/model/classifier.hpp"
#include "wikistream/model/factory.hpp"
#include "wikistream/model/gaussian_nb.hpp"
#include "wikistream/model/grid_search.hpp"
#include "wikistream/model/hoeffding_tree.hpp"
#include "wikistream/model/tree_dump.hpp"
#include "wikistream/pipeline/featurizer.hpp"
#include "wikistream/pipeline/pipeline.hpp"
#include "wikistream/selection/variance_selector.hpp"
#include "wikistream/service/executor.hpp"
#include "wikistream/service/server.hpp"
#include "wikistream/service/service.hpp"
#include "wikistream/text/content_features.hpp"
#include "wikistream/text/lexicons.hpp"
#include "wikistream/text/ngram.hpp"
#include "wikistream/text/preprocess.hpp"
#include "wikistream/text/side_features.hpp"
