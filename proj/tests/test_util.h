// Copyright 2026 The ltc Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef LTC_TESTS_TEST_UTIL_H_
#define LTC_TESTS_TEST_UTIL_H_

#include <string>

#include <gtest/gtest.h>

#include "ltc/error.h"

// Expects `stmt` to throw ltc::Error whose message contains `needle`.
#define EXPECT_LTC_ERROR(stmt, needle)                                   \
  do {                                                                   \
    try {                                                                \
      stmt;                                                              \
      ADD_FAILURE() << "no error thrown, expected: " << (needle);        \
    } catch (const ltc::Error& e) {                                     \
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)   \
          << "message: " << e.what();                                    \
    }                                                                    \
  } while (0)

#endif  // LTC_TESTS_TEST_UTIL_H_
