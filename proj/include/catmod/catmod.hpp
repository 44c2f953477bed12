#pragma once

#include "catmod/errors.hpp"
#include "catmod/scalar.hpp"
#include "catmod/linalg.hpp"
#include "catmod/algebra.hpp"
#include "catmod/monoidal.hpp"
#include "catmod/modcat.hpp"
#include "catmod/transport.hpp"
#include "catmod/truncation.hpp"
#include "catmod/stages.hpp"
#include "catmod/symmetric.hpp"
