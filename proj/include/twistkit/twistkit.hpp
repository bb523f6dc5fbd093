#pragma once

// Everything at once.
#include "twistkit/derivative.hpp"
#include "twistkit/divisor.hpp"
#include "twistkit/family.hpp"
#include "twistkit/linalg.hpp"
#include "twistkit/normal_bundle.hpp"
#include "twistkit/tables.hpp"
