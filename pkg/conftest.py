"""Configure Django before pytest imports the app test modules."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'troplin.settings')
django.setup()
