#pragma once

// Umbrella header.
#include "uemb/ckmap.hpp"
#include "uemb/embed.hpp"
#include "uemb/errors.hpp"
#include "uemb/hull.hpp"
#include "uemb/io.hpp"
#include "uemb/lp.hpp"
#include "uemb/scalar.hpp"
#include "uemb/space.hpp"
#include "uemb/usuit.hpp"
#include "uemb/vector.hpp"
