#pragma once

#include "loghet/corpus.hpp"
#include "loghet/error.hpp"
#include "loghet/fuzzing.hpp"
#include "loghet/harness.hpp"
#include "loghet/heterogeneity.hpp"
#include "loghet/metrics.hpp"
#include "loghet/mixing.hpp"
#include "loghet/parsers.hpp"
#include "loghet/pool.hpp"
#include "loghet/random.hpp"
#include "loghet/synthetic.hpp"
#include "loghet/utf8.hpp"
