#pragma once

// Umbrella header.

#include "ldr/bench.hpp"
#include "ldr/classes.hpp"
#include "ldr/dense.hpp"
#include "ldr/displacement.hpp"
#include "ldr/error.hpp"
#include "ldr/fastmult.hpp"
#include "ldr/fft.hpp"
#include "ldr/learn/checkpoint.hpp"
#include "ldr/learn/config.hpp"
#include "ldr/learn/data.hpp"
#include "ldr/learn/gradients.hpp"
#include "ldr/learn/model.hpp"
#include "ldr/learn/train.hpp"
#include "ldr/numerics.hpp"
#include "ldr/operator.hpp"
#include "ldr/random.hpp"
#include "ldr/serialize.hpp"
#include "ldr/suites.hpp"
