#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
#
# owcsim - indoor optical wireless channel simulation and WDMA resource allocation
# Copyright (C) 2026 The owcsim authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Solve an exported allocation model with HiGHS and print the selected x variables.

Exit status 0 on an optimal solve, 2 if highspy is not installed, 1 otherwise.
"""

import argparse
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("lp_file")
    args = parser.parse_args()
    try:
        import highspy
    except ImportError:
        print("highspy is not installed", file=sys.stderr)
        return 2

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if h.readModel(args.lp_file) != highspy.HighsStatus.kOk:
        print("could not read " + args.lp_file, file=sys.stderr)
        return 1
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        print("solve ended with " + h.modelStatusToString(h.getModelStatus()), file=sys.stderr)
        return 1
    values = h.getSolution().col_value
    lp = h.getLp()
    print("objective %.12g" % h.getInfo().objective_function_value)
    for j, name in enumerate(lp.col_names_):
        if name.startswith("x_") and values[j] > 0.5:
            print(name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
