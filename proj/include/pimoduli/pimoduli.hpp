#pragma once

#include "pimoduli/errors.hpp"
#include "pimoduli/bounds.hpp"
#include "pimoduli/int_matrix.hpp"
#include "pimoduli/smith.hpp"
#include "pimoduli/ab_group.hpp"
#include "pimoduli/cochain.hpp"
#include "pimoduli/finite_group.hpp"
#include "pimoduli/gmodule.hpp"
#include "pimoduli/cohomology.hpp"
#include "pimoduli/pi_algebra.hpp"
#include "pimoduli/moduli.hpp"
