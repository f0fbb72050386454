#pragma once

#include "ctopo/complex.hpp"
#include "ctopo/concurrence.hpp"
#include "ctopo/errors.hpp"
#include "ctopo/gf2.hpp"
#include "ctopo/homology.hpp"
#include "ctopo/kunneth.hpp"
#include "ctopo/oracle.hpp"
#include "ctopo/pipeline.hpp"
#include "ctopo/random.hpp"
#include "ctopo/simplex.hpp"
#include "ctopo/synthetic.hpp"
