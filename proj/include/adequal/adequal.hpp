#pragma once

#include "adequal/bounds.hpp"
#include "adequal/calculus.hpp"
#include "adequal/enclosure.hpp"
#include "adequal/error.hpp"
#include "adequal/expr.hpp"
#include "adequal/germ.hpp"
#include "adequal/lcfield.hpp"
#include "adequal/notation.hpp"
#include "adequal/polynomial.hpp"
#include "adequal/rational.hpp"
#include "adequal/roots.hpp"
#include "adequal/sampling.hpp"
#include "adequal/transfer.hpp"
