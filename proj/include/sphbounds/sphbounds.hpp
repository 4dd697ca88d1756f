#pragma once

// Core headers. JSON support lives in sphbounds/io.hpp.

#include "sphbounds/bounds.hpp"
#include "sphbounds/capopt.hpp"
#include "sphbounds/codes.hpp"
#include "sphbounds/error.hpp"
#include "sphbounds/gegenbauer.hpp"
#include "sphbounds/poly3.hpp"
#include "sphbounds/threepoint.hpp"
#include "sphbounds/verify.hpp"
