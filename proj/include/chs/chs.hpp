#pragma once

#include "convex.hpp"
#include "core_transform.hpp"
#include "decoder.hpp"
#include "experiment.hpp"
#include "lgv.hpp"
#include "serialize.hpp"
#include "variants.hpp"
