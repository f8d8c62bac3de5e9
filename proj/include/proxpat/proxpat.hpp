#pragma once

// Descriptive-proximity pattern analysis for grayscale images: quantized
// probe descriptions, spatial/descriptive nearness with axiom validation,
// groupoids over description sets, neighbourly-pattern mining, and
// saliency-based classification.

#include "proxpat/axioms.hpp"
#include "proxpat/cli.hpp"
#include "proxpat/errors.hpp"
#include "proxpat/feature.hpp"
#include "proxpat/groupoid.hpp"
#include "proxpat/image.hpp"
#include "proxpat/pattern.hpp"
#include "proxpat/point.hpp"
#include "proxpat/serialize.hpp"
#include "proxpat/space.hpp"
