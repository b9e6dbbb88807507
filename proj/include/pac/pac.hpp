#pragma once

#include "bounds.hpp"
#include "channel.hpp"
#include "code.hpp"
#include "construction.hpp"
#include "conv.hpp"
#include "demapper.hpp"
#include "fano.hpp"
#include "guessing.hpp"
#include "harness.hpp"
#include "llr.hpp"
#include "polar.hpp"
#include "profile.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
