# Copyright (C) 2024 Alexandre Mitsuru Kaihara
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.


# Brief: Base class for every error raised on purpose by geohom
class GeohomException(Exception):
    pass

# Brief: This exception is for a violated precondition (bad determinant, non-fundamental discriminant, level violation, ...)
class InvalidInput(GeohomException):
    pass

# Brief: This exception is raised when an exact identity fails to hold
class VerificationFailure(GeohomException):
    pass

# Brief: This exception marks a state that valid input can never reach (CRT failure, iteration cap, residue after decomposition)
class InternalDefect(GeohomException):
    pass
