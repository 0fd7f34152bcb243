#ifndef QUADHAM_QUADHAM_HPP
#define QUADHAM_QUADHAM_HPP

#include "opcore.hpp"
#include "adjrep.hpp"
#include "spectra.hpp"
#include "symmetry.hpp"
#include "dynamics.hpp"
#include "models.hpp"
#include "io.hpp"
#include "sweep.hpp"
#include "verify.hpp"

#endif // QUADHAM_QUADHAM_HPP
