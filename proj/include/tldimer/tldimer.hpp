#pragma once

#include "tldimer/alpha_poly.hpp"
#include "tldimer/dimer.hpp"
#include "tldimer/intertwiners.hpp"
#include "tldimer/link_state.hpp"
#include "tldimer/parallel.hpp"
#include "tldimer/rank.hpp"
#include "tldimer/rational.hpp"
#include "tldimer/report.hpp"
#include "tldimer/sparse.hpp"
#include "tldimer/spin_chain.hpp"
#include "tldimer/structure.hpp"
#include "tldimer/tl_diagram.hpp"
#include "tldimer/version.hpp"
