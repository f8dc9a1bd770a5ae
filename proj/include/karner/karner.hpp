#pragma once

#include "karner/errors.hpp"
#include "karner/linalg.hpp"
#include "karner/tensor_core.hpp"
#include "karner/krein_boundary.hpp"
#include "karner/floquet_fermi.hpp"
