/*
 *  Copyright (C) 2026  The cauto authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */

#ifndef CAUTO_PARSE_HPP
#define CAUTO_PARSE_HPP

#include <istream>
#include <stdexcept>
#include <string>

#include "cauto/program.hpp"

namespace cauto {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line(line),
          column(column) {}

    int line;
    int column;
};

enum class SourceFormat { AspText, DimacsCnf };

/// Ground ASP text: `head :- lit, ..., lit.`, facts `atom.`, constraints
/// `:- body.`, literals `atom` or `not atom`, `%` line comments. Atom tokens
/// are `name` or `name(arg,...,arg)` and are treated as opaque.
Program parseAsp(std::istream& in);
Program parseAsp(const std::string& text);

/// DIMACS CNF via the two-rules-per-variable encoding: t_i <- not f_i and
/// f_i <- not t_i for every variable, plus one constraint per clause whose
/// body is the complement of the clause's literals. Tautological clauses are
/// dropped. The default query is every t_i and f_i.
Program parseDimacs(std::istream& in);
Program parseDimacs(const std::string& text);

/// One atom name per line; `%` comments and blank lines ignored. Names
/// absent from the program are interned (they have no defining rule and are
/// false in every stable model). Naming the false-atom token is an error.
AtomSet parseQuery(std::istream& in, Program& p);
AtomSet parseQuery(const std::string& text, Program& p);

/// A leading `p cnf` header (before any non-comment content) selects DIMACS.
SourceFormat detectFormat(const std::string& text);

}  // namespace cauto

#endif
