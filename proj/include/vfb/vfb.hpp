#pragma once

// Umbrella header: the whole toolkit.

#include "vfb/continuation.hpp"
#include "vfb/errors.hpp"
#include "vfb/evolve.hpp"
#include "vfb/fourier.hpp"
#include "vfb/geometry.hpp"
#include "vfb/io.hpp"
#include "vfb/kida.hpp"
#include "vfb/operator_g.hpp"
#include "vfb/pipelines.hpp"
#include "vfb/reconstruct.hpp"
#include "vfb/spectral.hpp"
#include "vfb/verify.hpp"
#include "vfb/version.hpp"
