#pragma once

#include "qconv/conv.hpp"
#include "qconv/error.hpp"
#include "qconv/field.hpp"
#include "qconv/io.hpp"
#include "qconv/qft.hpp"
#include "qconv/quaternion.hpp"
#include "qconv/random.hpp"
#include "qconv/terms.hpp"
