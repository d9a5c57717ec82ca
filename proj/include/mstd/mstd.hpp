#pragma once

#include "mstd/catalog.hpp"
#include "mstd/classify.hpp"
#include "mstd/construct.hpp"
#include "mstd/error.hpp"
#include "mstd/genlin.hpp"
#include "mstd/intset.hpp"
#include "mstd/parallel.hpp"
#include "mstd/sample.hpp"
#include "mstd/search.hpp"
