#pragma once

#include "liespec/geodesics.hpp"
#include "liespec/harness.hpp"
#include "liespec/io.hpp"
#include "liespec/lie_algebra.hpp"
#include "liespec/metric.hpp"
#include "liespec/spectrum.hpp"
#include "liespec/threads.hpp"
