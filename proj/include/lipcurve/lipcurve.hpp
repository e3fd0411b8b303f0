#pragma once

#include "lipcurve/bench.hpp"
#include "lipcurve/curve.hpp"
#include "lipcurve/ellipse.hpp"
#include "lipcurve/errors.hpp"
#include "lipcurve/instances.hpp"
#include "lipcurve/lemmas.hpp"
#include "lipcurve/point.hpp"
#include "lipcurve/proofset.hpp"
#include "lipcurve/query.hpp"
#include "lipcurve/solver.hpp"
