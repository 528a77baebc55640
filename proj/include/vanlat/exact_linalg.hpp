#pragma once

// Exact linear algebra over Z, GF(2) and GF(p).

#include "vanlat/f2.hpp"
#include "vanlat/fp.hpp"
#include "vanlat/int_matrix.hpp"
#include "vanlat/smith.hpp"
