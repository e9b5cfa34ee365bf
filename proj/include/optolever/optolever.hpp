#ifndef OPTOLEVER_OPTOLEVER_HPP
#define OPTOLEVER_OPTOLEVER_HPP

#include "optolever/constants.hpp"
#include "optolever/errors.hpp"
#include "optolever/gaussian_beam.hpp"
#include "optolever/hg_modes.hpp"
#include "optolever/quadrature_field.hpp"
#include "optolever/translation.hpp"
#include "optolever/rotation.hpp"
#include "optolever/design_solver.hpp"
#include "optolever/mc_validator.hpp"
#include "optolever/config.hpp"

#endif // OPTOLEVER_OPTOLEVER_HPP
