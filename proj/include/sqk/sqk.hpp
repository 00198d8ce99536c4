#pragma once

#include "sqk/category.hpp"
#include "sqk/closure.hpp"
#include "sqk/dsl.hpp"
#include "sqk/error.hpp"
#include "sqk/gallery.hpp"
#include "sqk/integer_matrix.hpp"
#include "sqk/k0.hpp"
#include "sqk/nerve.hpp"
#include "sqk/pi1.hpp"
#include "sqk/report.hpp"
#include "sqk/squares.hpp"
