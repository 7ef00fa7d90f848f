#pragma once

#include "uwaring/certificate.hpp"
#include "uwaring/decomposer.hpp"
#include "uwaring/errors.hpp"
#include "uwaring/group_spec.hpp"
#include "uwaring/lattice.hpp"
#include "uwaring/linalg.hpp"
#include "uwaring/matrix.hpp"
#include "uwaring/moments.hpp"
#include "uwaring/morphism.hpp"
#include "uwaring/oracle.hpp"
#include "uwaring/polynomial.hpp"
#include "uwaring/scalar.hpp"
#include "uwaring/word.hpp"
