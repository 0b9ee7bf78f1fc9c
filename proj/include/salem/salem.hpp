#pragma once

#include "salem/rational.hpp"
#include "salem/prob_vector.hpp"
#include "salem/digit_seq.hpp"
#include "salem/numeral.hpp"
#include "salem/flip_set.hpp"
#include "salem/transforms.hpp"
#include "salem/analysis.hpp"
#include "salem/fractal.hpp"
