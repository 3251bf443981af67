#pragma once

#include "xmlstream/binary_validator.hpp"
#include "xmlstream/document.hpp"
#include "xmlstream/schema.hpp"

namespace xmlstream {

// Copies an FCNS^_ document, setting `state` on every closing tag to ann1.
void annotate_ann1(Machine& m, TapeId bot, TapeId out, const Dfa& A1);
// Reads backward and writes the reversed document with ann2 on every closing tag.
void annotate_ann2(Machine& m, TapeId bot, TapeId out, const Dfa& A2);

// Check functions over annotated tags.
CheckFn ann1_check(const Dfa& A1);

// Validators over a full binary FCNS^_ document. Scratch tapes aux1 and aux2.
ValidationReport validate_fcns_onepass(Machine& m, TapeId bot, const Schema& schema, ValidationOptions opt = {});
ValidationReport validate_fcns_twopass(Machine& m, TapeId bot, const Schema& schema, ValidationOptions opt = {});

// Encodes a general document into FCNS^_ on aux3, then runs the two-pass validator.
ValidationReport validate_general(Machine& m, TapeId doc, const Schema& schema, ValidationOptions opt = {});

// Reference validator with unbounded memory.
Verdict validate_oracle(const Tree& tree, const Schema& schema);

}  // namespace xmlstream
