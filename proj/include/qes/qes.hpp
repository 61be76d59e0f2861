#pragma once

#include "qes/exactfield.hpp"
#include "qes/polyalg.hpp"
#include "qes/diffop.hpp"
#include "qes/elliptic.hpp"
#include "qes/models.hpp"
#include "qes/certifier.hpp"
#include "qes/numverify.hpp"
#include "qes/io.hpp"
