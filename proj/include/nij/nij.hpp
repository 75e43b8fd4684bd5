#pragma once

#include "nij/error.hpp"
#include "nij/scalar.hpp"
#include "nij/matrix.hpp"
#include "nij/linalg.hpp"
#include "nij/frame.hpp"
#include "nij/tensor.hpp"
#include "nij/lie_frame.hpp"
#include "nij/residual.hpp"
#include "nij/nijenhuis.hpp"
#include "nij/hn_structure.hpp"
#include "nij/torsion.hpp"
#include "nij/instances.hpp"
