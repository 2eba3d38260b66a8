#pragma once

#include "qqent/error.hpp"
#include "qqent/haar.hpp"
#include "qqent/measures.hpp"
#include "qqent/model.hpp"
#include "qqent/qmat.hpp"
#include "qqent/random.hpp"
#include "qqent/states.hpp"
#include "qqent/sweep.hpp"
