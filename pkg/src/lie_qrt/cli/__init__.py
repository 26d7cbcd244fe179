"""
Command line interface.
"""

from .argument_parser import ArgumentParser
from .command_handler import CommandHandler
