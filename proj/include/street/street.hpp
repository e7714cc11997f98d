#ifndef STREET_STREET_HPP_
#define STREET_STREET_HPP_

#include "street/codec.hpp"
#include "street/corpus.hpp"
#include "street/decimal.hpp"
#include "street/ged.hpp"
#include "street/graph.hpp"
#include "street/metrics.hpp"
#include "street/result.hpp"
#include "street/scone.hpp"
#include "street/scoring.hpp"
#include "street/similarity.hpp"
#include "street/task.hpp"
#include "street/tlu.hpp"

#endif  // STREET_STREET_HPP_
