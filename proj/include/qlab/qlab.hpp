#pragma once

#include "qlab/cumulants.hpp"
#include "qlab/fock.hpp"
#include "qlab/fock_numeric.hpp"
#include "qlab/jackson.hpp"
#include "qlab/khintchine.hpp"
#include "qlab/linalg.hpp"
#include "qlab/orthopoly.hpp"
#include "qlab/partitions.hpp"
#include "qlab/polynomial.hpp"
#include "qlab/qconv.hpp"
#include "qlab/qexact.hpp"
#include "qlab/rational.hpp"
