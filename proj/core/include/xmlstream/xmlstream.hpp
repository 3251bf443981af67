#pragma once

#include "xmlstream/automata.hpp"
#include "xmlstream/binary_validator.hpp"
#include "xmlstream/document.hpp"
#include "xmlstream/dtd.hpp"
#include "xmlstream/error.hpp"
#include "xmlstream/fcns.hpp"
#include "xmlstream/general_validator.hpp"
#include "xmlstream/instance_gen.hpp"
#include "xmlstream/label.hpp"
#include "xmlstream/schema.hpp"
#include "xmlstream/tag.hpp"
#include "xmlstream/tape.hpp"
#include "xmlstream/verdict.hpp"
