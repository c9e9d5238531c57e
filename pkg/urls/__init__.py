# __init__.py - URL handlers package
