#pragma once

#include "tricoh/coherence.hpp"
#include "tricoh/errors.hpp"
#include "tricoh/field.hpp"
#include "tricoh/optics.hpp"
