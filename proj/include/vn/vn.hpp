// Umbrella header.

#pragma once

#include "vn/constructions.hpp"
#include "vn/element.hpp"
#include "vn/error.hpp"
#include "vn/expression.hpp"
#include "vn/io.hpp"
#include "vn/random.hpp"
#include "vn/render.hpp"
#include "vn/search.hpp"
#include "vn/verify.hpp"
#include "vn/words.hpp"
