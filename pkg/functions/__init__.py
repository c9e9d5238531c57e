# __init__.py - Functions package
