#pragma once

#include "ancilla/analysis.hpp"
#include "ancilla/channel.hpp"
#include "ancilla/gallery.hpp"
#include "ancilla/json_io.hpp"
#include "ancilla/linalg.hpp"
#include "ancilla/matrix.hpp"
#include "ancilla/opspace.hpp"
#include "ancilla/physicality.hpp"
#include "ancilla/random.hpp"
#include "ancilla/regression.hpp"
#include "ancilla/schmidt.hpp"
#include "ancilla/sic.hpp"
#include "ancilla/tomography.hpp"
#include "ancilla/weyl.hpp"
