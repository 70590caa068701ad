#pragma once

#include "variants/codes.hpp"
#include "variants/cyclotomic.hpp"
#include "variants/hpcomplex.hpp"
#include "variants/qpoly.hpp"
