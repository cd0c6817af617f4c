#pragma once

#include "calab/birkhoff.hpp"
#include "calab/casas_alvero.hpp"
#include "calab/common.hpp"
#include "calab/inverse.hpp"
#include "calab/least_squares.hpp"
#include "calab/overdetermined.hpp"
#include "calab/polynomial.hpp"
#include "calab/random.hpp"
#include "calab/roots.hpp"
#include "calab/symmetric_means.hpp"
