#pragma once

#include "afc/bitvec.hpp"
#include "afc/energy.hpp"
#include "afc/errors.hpp"
#include "afc/fpset.hpp"
#include "afc/int128.hpp"
#include "afc/lemmas.hpp"
#include "afc/pair_graph.hpp"
#include "afc/prime.hpp"
#include "afc/rational.hpp"
#include "afc/repfn.hpp"
#include "afc/rng.hpp"
#include "afc/setspec.hpp"
#include "afc/sweep.hpp"
